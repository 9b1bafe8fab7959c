"""Utilitários do oráculo (triangulação, recorte planar)"""
