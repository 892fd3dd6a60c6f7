"""Tests for the sphere-mergelyan package."""
