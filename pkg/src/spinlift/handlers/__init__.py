"""
Command handlers package.
"""

from spinlift.handlers.commands import CommandHandler

__all__ = ["CommandHandler"]
