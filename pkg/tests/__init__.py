"""Tests for Tail Glow."""
