"""Tracy-Widom family distributions and last-passage percolation checks."""
