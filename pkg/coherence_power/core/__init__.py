"""Numerical kernels: linear algebra, states, coherence, channels, search, powers."""
