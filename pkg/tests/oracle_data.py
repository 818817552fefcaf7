"""Frozen reference values for the test suite.

Generated by tools/gen_airy_tables.py (mpmath, 40 digits); do not edit
by hand.
"""

# x -> Ai(x) on [-30, 30], including all evaluation-regime boundaries
AIRY_SAMPLES = (
    (-30.00000000000000000000000, -0.08796818845684216283262386),
    (-27.50000000000000000000000, 0.1102330052599805234007988),
    (-25.00000000000000000000000, 0.1635265788304294694863710),
    (-22.25000000000000000000000, 0.2591828462141316295234947),
    (-20.00000000000000000000000, -0.1764061270779846895901923),
    (-17.50000000000000000000000, -0.1726605906622262678196076),
    (-15.00000000000000000000000, 0.2782174908708289295276215),
    (-12.50000000000000000000000, -0.2762745613811602482251711),
    (-11.00000000000000000000000, -0.008759589255702381289966088),
    (-10.00000000000000000000000, 0.04024123848644319068943031),
    (-9.500000000000000000000000, 0.3191032477191282013757478),
    (-9.400000000000000000000000, 0.2934775561120677575830937),
    (-9.350000000000000000000000, 0.2701269163506989592226236),
    (-9.200000000000000000000000, 0.1652680046514796314409881),
    (-8.800000000000000000000000, -0.2020544473767457622729732),
    (-8.100000000000000000000000, -0.1429081470935814243721047),
    (-7.500000000000000000000000, 0.3217757163806478752673285),
    (-7.000000000000000000000000, 0.1842808352505056372799415),
    (-6.500000000000000000000000, -0.2380203019971158035944441),
    (-6.100000000000000000000000, -0.3535116761209648746689703),
    (-5.500000000000000000000000, 0.01778154127657497560302015),
    (-5.000000000000000000000000, 0.3507610090241143197880163),
    (-4.800000000000000000000000, 0.3800366766427929384150135),
    (-4.650000000000000000000000, 0.3544903648646606132769742),
    (-4.600000000000000000000000, 0.3374959754894628631761719),
    (-4.550000000000000000000000, 0.3166237056226670188859386),
    (-4.200000000000000000000000, 0.08921076323945057900758231),
    (-3.600000000000000000000000, -0.3347774774748218997873450),
    (-3.000000000000000000000000, -0.3788142936776580743472439),
    (-2.338107410459767040000000, -1.059391237580505621042149e-18),
    (-1.700000000000000000000000, 0.3886070373963287373016192),
    (-1.000000000000000000000000, 0.5355608832923521187995166),
    (-0.4000000000000000000000000, 0.4542256138886673983921557),
    (0.0, 0.3550280538878172392600632),
    (0.3000000000000000000000000, 0.2788064819550049219420628),
    (1.000000000000000000000000, 0.1352924163128814155241474),
    (1.800000000000000000000000, 0.04703621686684580522472894),
    (2.500000000000000000000000, 0.01572592338047048999526605),
    (3.300000000000000000000000, 0.003787288426826753313120640),
    (3.400000000000000000000000, 0.003132342779904207846496617),
    (3.450000000000000000000000, 0.002845941690231680285063768),
    (3.900000000000000000000000, 0.001167654872991449488304329),
    (4.600000000000000000000000, 0.0002654321239244502429198743),
    (5.200000000000000000000000, 0.00006832855592524810090445348),
    (6.100000000000000000000000, 0.000007747731032448427536327754),
    (7.000000000000000000000000, 0.0000007492128863997167080771040),
    (7.700000000000000000000000, 0.0000001097616850202778423302399),
    (7.800000000000000000000000, 8.282960066226890175545289e-8),
    (7.900000000000000000000000, 6.239640097283940478679015e-8),
    (8.500000000000000000000000, 1.099700975519550650949063e-8),
    (10.00000000000000000000000, 1.104753255289868593355021e-10),
    (12.50000000000000000000000, 2.396827826078049936281669e-14),
    (16.00000000000000000000000, 4.156888828917024394747938e-20),
    (21.00000000000000000000000, 1.806138442470383379480240e-29),
    (26.00000000000000000000000, 5.153011145198340303609474e-40),
    (30.00000000000000000000000, 3.208217591550495571075287e-49),
)

# x -> Ai'(x)
AIRY_PRIME_SAMPLES = (
    (-8.300000000000000000000000, 0.4972767902532095768482955),
    (-5.100000000000000000000000, 0.4945859983849370550947757),
    (-2.200000000000000000000000, 0.6862448249090017098253203),
    (-0.7000000000000000000000000, -0.1446412856433210274017204),
    (0.0, -0.2588194037928067984051836),
    (1.400000000000000000000000, -0.1085095904801391636504401),
    (3.600000000000000000000000, -0.004171131744419381080421149),
    (6.200000000000000000000000, -0.00001522965169694156667417768),
)

# first zero of Ai on the negative axis
AIRY_FIRST_ZERO = -2.338107410459767038489197

# semi-infinite Airy-product exponential integrals (see generator)
INTEGRAL_VANISHING_A1 = 0.007023870159538220377266092
INTEGRAL_DIVSTRONG_A1 = 0.5260172353418691206264210
INTEGRAL_DIV1_A1 = 0.2738474376335319354630252
INTEGRAL_DIV1_SWITCH = 0.02098346956402393454401311
INTEGRAL_DIV2_DIRECT = 0.0001746848120931623001557230
INTEGRAL_DIV1_NEGXI = 0.02013691782030330645066872

# sigma_alpha at alpha = 1/2: alpha^(1/3)(2-2a+a^2)^(1/3)/(2-a)^(2/3)
SIGMA_ALPHA_HALF = 0.6524779401948105992374893

# Converged Fredholm-determinant anchors, frozen from extended-precision
# node-doubling ladders (n in {128, 256, 384} cross-checked against
# truncation offsets T, T+4, T+8; window = observed scatter).  Each entry:
# (a, s, value, window).
DET_ANCHORS = (
    # G_a(s) = det(I - chi K~_a chi) on (s, inf)
    (0.0, -2.0, 7.56767859879640e-3, 5e-15),
    (0.0, -3.0, 2.70731932530477e-6, 1e-16),
    (1.8, -2.0, 1.4870112e-4, 5e-10),
    (1.8, -2.5, 4.87352e-7, 5e-11),
    (1.5, -3.0, 3.94760e-10, 5e-13),
    (1.5, -2.0, 1.9291022380e-4, 5e-12),
    (1.2, -3.0, 1.0836054527e-9, 5e-13),
    (1.2, -2.6, 4.0831611557e-7, 5e-11),
)

# F1(x) anchors (GOE Tracy-Widom) via the a=0 reduction: F1(2s) = G_0(s).
F1_AT_MINUS4 = 7.56767859879640e-3    # = G_0(-2), extended, n in {128,256}
F1_AT_MINUS4_SQ = 5.726975937468e-5   # square of the above
