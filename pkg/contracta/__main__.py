# -*- coding: utf-8 -*-
#
from contracta.cli import main

main(prog="python3 -m contracta")
