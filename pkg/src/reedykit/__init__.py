"""Executable Reedy theory for sections of semifibrations over finite bases."""

__version__ = "0.1.0"
