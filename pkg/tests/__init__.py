"""
Test package for squarepeg
"""
