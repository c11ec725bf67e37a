"""CLI module for PDO-MMD."""
