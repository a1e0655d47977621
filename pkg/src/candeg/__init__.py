"""Abelian covers of surfaces, generating pairs and canonical-degree bounds."""

__version__ = "0.1.0"
