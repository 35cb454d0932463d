"""Driver-behavior learning and stochastic platoon control toolkit."""

__version__ = "0.1.0"
