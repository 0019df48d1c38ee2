"""Командная строка biring: разбор ввода, вызов ядра, вывод JSON или текста."""
