"""Subcommands of the command-line application; each module exposes ``setup(app)``."""
