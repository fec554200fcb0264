"""Exact geodesic-orbit analysis of metric homogeneous spaces."""
__version__ = "0.1.0"
