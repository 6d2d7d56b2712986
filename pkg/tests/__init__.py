"""Tests for Contrapunctus."""
