"""RingLab - Ore extension workbench for principally quasi-Baer rings"""

__version__ = "1.0.0"
