"""Models module — Pydantic data schemas."""
