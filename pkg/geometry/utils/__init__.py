"""Utilitários geométricos (quadratura, discos, partições)"""
