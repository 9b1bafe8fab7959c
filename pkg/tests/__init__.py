"""Testes da biblioteca de simetrais e da CLI"""
