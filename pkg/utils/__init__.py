"""Configuration, file formats, reports and smoke checks for fermigauss"""
