"""Tests for noma-vr-offloader"""
