"""Multi-document keyphrase extraction, gold-list construction and evaluation."""

__version__ = "0.1.0"
