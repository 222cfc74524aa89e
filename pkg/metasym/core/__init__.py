"""Core module — configuration, logging and errors."""
