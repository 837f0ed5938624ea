# -*- coding: utf-8 -*-

"""Top-level package for advlin."""

__author__ = """advlin developers"""
__email__ = 'advlin-devel@googlegroups.com'
