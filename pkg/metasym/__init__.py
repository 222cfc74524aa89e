"""Metasym - combinatorial verification of Coxeter groups and F4-type incidence geometries."""

__version__ = "0.1.0"
