"""Retrieval-based FAQ chatbot engine for admissions questions."""

__version__ = "0.1.0"
