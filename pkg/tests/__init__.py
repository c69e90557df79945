"""
Test suite for torn-codes
"""