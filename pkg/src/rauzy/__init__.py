"""Rauzy tiling patches, their rhombal algebras and an exact module calculus."""

__version__ = "0.1.0"
