"""Development scripts for the coherence-power package."""
