"""Tests for the coherence-power package."""
