"""Tests for the terrain guarding solver."""
