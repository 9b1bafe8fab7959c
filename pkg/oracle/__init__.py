"""Estimadores numéricos independentes das fórmulas analíticas"""
