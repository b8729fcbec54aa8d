"""Experiment orchestration: presets, batch commands and the command-line entry point."""

from braidspectra.explab.io import read_csv, read_words, write_csv

__all__ = ["read_csv", "read_words", "write_csv"]
