"""Tests for grids, transforms and quadrature."""
