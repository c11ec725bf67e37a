"""Tests for PDO kernels."""
