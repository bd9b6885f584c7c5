# Django project package for the shuffle network-load toolkit
