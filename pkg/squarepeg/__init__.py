"""
squarepeg - Obtuse convex bodies, the Table Theorem and inscribed squares
"""

__version__ = "1.0.0"
__author__ = "squarepeg"
__description__ = "Sector-based obtuseness tests, level-square solving and inscribed squares for convex polygons"
