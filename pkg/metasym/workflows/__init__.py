"""Workflows — shipped structures, workspace cache and the acceptance suite."""
