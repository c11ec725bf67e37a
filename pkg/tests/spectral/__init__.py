"""Tests for operators and singular expansions."""
