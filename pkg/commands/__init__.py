# Command packages
