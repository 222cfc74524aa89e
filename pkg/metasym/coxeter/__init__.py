"""Coxeter module — presentations, exact enumeration and the word problem."""
