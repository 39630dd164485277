# Empty init file to make apps a Python package
