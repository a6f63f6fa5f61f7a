"""General utilities for deuq."""
