"""Infraestrutura compartilhada: erros e logging estruturado"""
