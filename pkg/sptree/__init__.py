"""
sptree: shortest-path trees kept current under single edge-weight updates.

Incremental and decremental repair, negative-cycle witnesses,
minimal-edge-change merging, and the tooling to verify and benchmark them.
"""

__version__ = '0.1.0'
