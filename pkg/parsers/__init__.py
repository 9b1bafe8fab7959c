"""Leitura e escrita de documentos de perfil"""
