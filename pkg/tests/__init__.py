"""
Tests for the mfkit package.
"""
