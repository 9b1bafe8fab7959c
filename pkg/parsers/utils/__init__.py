"""Avaliação de expressões numéricas dos documentos"""
