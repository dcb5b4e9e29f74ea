# src/config.py

"""
Configuration file for the 2-ATD census toolkit.

This file stores search budgets, census defaults and output locations
to allow for easy adjustments and calibration.
"""

# --- Search Budgets ---
# Exceeding any of these is a hard error naming the offending unit of work.
BUDGETS = {
    # Structure enumeration
    'S_ARCS_CAP': 10_000_000,  # Max number of s-arcs materialised at once

    # Permutation groups
    'COSET_INDEX_CAP': 100_000,  # Max index for a coset action
    'OVERGROUP_INDEX_CAP': 1024,  # Max |A:G| when listing overgroups
    'REGULAR_SEARCH_NODES': 1_000_000,  # Node budget of the regular subgroup search
    'GROUP_ENUMERATION_CAP': 1_000_000,  # Max elements enumerated through transversals

    # Canonical labelling
    'AUT_SEARCH_NODES': 5_000_000,  # Node budget of the individualisation-refinement search

    # Finitely presented groups
    'QUOTIENT_MAX_INDEX': 512,  # Max index handed to the normal quotient search
    'QUOTIENT_DFS_NODES': 1_000_000_000,  # Node budget per (presentation, index) cell
    'TODD_COXETER_COSETS': 100_000,  # Coset table size limit for Todd-Coxeter

    # Invariants
    'CONSISTENT_CYCLE_CAP': 1_000_000,  # Max candidate shunts traced per base vertex
}

# --- Census Defaults ---
CENSUS_DEFAULTS = {
    'STABILISER_BOUND': 32,  # |G_v| <= 32 unless the digraph is generalised wreath
    'EXCEPTIONAL_ORDER': 8100,  # Order of the exceptional digraph outside the bound
    'S_CAP': 6,  # 1 + log2(STABILISER_BOUND)
    'MAX_TABLE_S': 5,  # Universal catalogue scope
    'JOBS': 1,  # Worker processes
    'SPLIT_BY_SHUNT_ORDER': True,  # Split each cell by the order of the shunt
    'GW_LAZY_THRESHOLD': 100_000,  # GW digraphs above this many vertices stay unbuilt
    'HAT_DESCENT_DEPTH': 3,  # Index-2 descent depth for standalone HAT analysis
    'GW_RECOGNITION_MAX_ORDER': 4096,  # Above this, IsGWD falls back to provenance
}

# --- Output Files ---
OUTPUT_FILES = {
    'ATD_CSV': 'ATD.csv',
    'GHAT_CSV': 'GHAT.csv',
    'HAT_CSV': 'HAT.csv',
    'DIGRAPH_DIR': 'digraphs',
    'COMPLETENESS_REPORT': 'completeness.txt',
}

# --- Logging ---
LOGGING = {
    'LEVEL': 'INFO',
    'FORMAT': '%(asctime)s %(levelname)s %(name)s: %(message)s',
}
