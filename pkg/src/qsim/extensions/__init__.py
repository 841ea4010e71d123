"""Bundled syntax extensions."""
