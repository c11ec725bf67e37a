"""Tests for symbols."""
