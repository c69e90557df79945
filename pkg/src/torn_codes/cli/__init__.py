"""
Command Line Interface package
"""

from .main import main

__all__ = ["main"]
