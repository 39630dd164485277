"""Readers and writers for external formats."""
