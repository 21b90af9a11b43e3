"""Classical and quantum-stochastic-walk PageRank for complex networks."""

from . import cli, dynamics, graphs, operators, ranking  # noqa: F401

__version__ = "0.1.0"
