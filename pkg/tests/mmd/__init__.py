"""Tests for MMD estimators."""
