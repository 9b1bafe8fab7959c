"""Utilitários para perfis (Cantor, polinômios)"""
