# Quiet mode controls for log output

import sys

_quiet = False

def set_quiet(enabled):
    """Enable/disable log output (counters keep updating either way)"""
    global _quiet
    if not enabled and _quiet:
        _quiet = False
        print("[LAB] 🔊 Quiet mode DISABLED", file=sys.stderr)
    _quiet = bool(enabled)
    return _quiet

def get_quiet():
    """Check if quiet mode is enabled"""
    return _quiet

def emit(line):
    """Print a log line to stderr unless quiet mode is on"""
    if not _quiet:
        print(line, file=sys.stderr)
