"""Exact verification engine for a characteristic-5 Kawamata-Viehweg counterexample."""

__version__ = "0.1.0"
