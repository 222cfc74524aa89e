"""Parabolic module — standard parabolic subgroups and their cosets."""
