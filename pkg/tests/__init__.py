#!/usr/bin/env python3
# -*- coding: UTF-8 -*-

from .test_const import *
from .test_functions import *
from .test_pulses import *
from .test_statespace import *
from .test_config import *
from .test_dynamics import *
from .test_oracles import *
from .test_metrics import *
from .test_checks import *
from .test_sweep import *
from .test_cli import *

# TestAcceptance runs the full reference gate several times and takes
# minutes, run it with nose2 or "python -m unittest tests.test_acceptance"
# from .test_acceptance import *
