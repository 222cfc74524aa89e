"""Geometry module — multi-sorted incidence geometries and their axiom checkers."""
