"""Tests for MMD fitting."""
