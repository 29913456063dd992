"""
Field name constants for instance documents.
Single source of truth for JSON keys used across the lab.
"""

# Common fields
KIND = 'kind'
SITES = 'sites'
DISTANCES = 'distances'
META = 'meta'

# Instance kinds
KIND_MUFL = 'mufl'
KIND_DKM = 'dkm'

# Facility location fields
FACILITIES = 'facilities'
CLIENTS = 'clients'          # optional, defaults to every site
OPENING_COST = 'opening_cost'

# K-means fields
K = 'K'
COORDS = 'coords'

# Reduction metadata (under META)
META_C = 'c'
META_EPS = 'eps'
META_W = 'W'
META_N = 'N'
META_M = 'M'
