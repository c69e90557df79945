"""
Unit tests package
"""