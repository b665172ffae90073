"""Mod-2 group cohomology workbench for 32G3f."""

__version__ = "0.1.0"
