"""Exact Hall numbers, reflection functors and Gabriel-Roiter measures for
representations of tame quivers over small finite fields."""

__version__ = "0.1.0"
