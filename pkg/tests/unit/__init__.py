"""
Unit tests package initialization.
"""
