"""テストモジュール。"""
