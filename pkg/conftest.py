# Test collection wiring for running the suite under pytest; mirrors the
# setenv in tox.ini (PYTHONPATH={toxinidir},
# DJANGO_SETTINGS_MODULE=sample_project.settings).
import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'sample_project.settings')
django.setup()
