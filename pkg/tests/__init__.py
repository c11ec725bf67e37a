"""Tests for PDO-MMD."""
