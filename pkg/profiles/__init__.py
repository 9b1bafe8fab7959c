"""Perfis BV unidimensionais: representação exata e cálculo"""
