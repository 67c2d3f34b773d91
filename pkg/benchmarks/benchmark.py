# -*- coding: utf-8 -*-
import timeit

# set up code is not included in the benchmark
# building the space, map and certificates is cheap and not what is measured here.
set_up_script = '''
from contracta import BanachCertificate, MetricSpace, SelfMap, VerificationConfig, classify, verify_certificate
from contracta.certificates import zeta_library
space = MetricSpace("[0,1]", 1, [(0.0, 1.0)])
cos_map = SelfMap(space, builtin="cos")
cert = BanachCertificate(0.85)
zeta = zeta_library()["rational"]
cfg = VerificationConfig(n_pairs=20000, epsilon_grid=(0.25, 0.5))
cfg_threads = VerificationConfig(n_pairs=20000, epsilon_grid=(0.25, 0.5), workers=4)
'''

run_script_banach = '''
r = verify_certificate(cert, cos_map, space, cfg)
'''

run_script_zeta = '''
r = verify_certificate(zeta, cos_map, space, cfg)
'''

run_script_banach_threads = '''
r = verify_certificate(cert, cos_map, space, cfg_threads)
'''

run_script_classify = '''
r = classify(cos_map, space, cfg=cfg)
'''

t1 = timeit.timeit(run_script_banach, set_up_script, number=10) / 10.0

t2 = timeit.timeit(run_script_zeta, set_up_script, number=10) / 10.0

t3 = timeit.timeit(run_script_banach_threads, set_up_script, number=10) / 10.0

t4 = timeit.timeit(run_script_classify, set_up_script, number=2) / 2.0


print("Benchmark completed. Verification took:\n"
      "Banach certificate, 20000 pairs: {} seconds\n"
      "Simulation function, 20000 pairs: {} seconds\n"
      "Banach certificate, 20000 pairs, 4 workers: {} seconds\n"
      "Full classification: {} seconds\n".format(t1, t2, t3, t4))
