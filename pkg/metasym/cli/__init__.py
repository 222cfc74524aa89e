"""CLI module — batch verification front end."""
