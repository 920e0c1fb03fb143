"""
flagrep
Exact arithmetic, permutation groups and finite geometry for flag-transitive
2-designs with prime replication number.
"""

__version__ = "1.0.0"
