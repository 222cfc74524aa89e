"""Chambers module — chamber systems, galleries, projections and convexity."""
