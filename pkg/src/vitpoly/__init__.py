"""Exact enumeration and classification of Viterbi sequences of small Markov chains."""

__version__ = "0.1.0"
