"""Escape regions, rotation numbers and symbolic dynamics for z**n + lam / z**d."""
