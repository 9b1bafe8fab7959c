"""Simetrais, rigidez e conjuntos testemunha"""
