"""Counting groups of order n and classifying the orders with g(n) in {1, 2, 3, 6, 7}."""
from .arithmetic import Factorization, euler_phi, factorize, is_cyclic_number, is_prime
from .classifier import Verdict, classify, rules, solve
from .cubefree import CountResult, count
from .graph import HolderGraph, build_graph, decompose
from .holder import AbstractGraph, g_holder, g_rooted

__all__ = [
    "AbstractGraph", "CountResult", "Factorization", "HolderGraph", "Verdict",
    "build_graph", "classify", "count", "decompose", "euler_phi", "factorize",
    "g_holder", "g_rooted", "is_cyclic_number", "is_prime", "rules", "solve",
]
