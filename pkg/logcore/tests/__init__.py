"""Tests for logcore module"""
