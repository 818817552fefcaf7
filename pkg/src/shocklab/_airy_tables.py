"""Frozen Airy anchor constants.

Generated by tools/gen_airy_tables.py (mpmath, 40 digits); do not edit
by hand. Anchors carry Ai and Ai' at the Taylor centers used for the
intermediate evaluation bands of specfun.airy_ai.
"""

# Ai(0) and -Ai'(0): the Maclaurin series constants
AIRY_C1 = 0.3550280538878172392600632
AIRY_C2 = 0.2588194037928067984051836

ANCHOR_X_POS = (3.600000000000000000000000, 4.000000000000000000000000, 4.400000000000000000000000, 4.800000000000000000000000, 5.200000000000000000000000, 5.600000000000000000000000, 6.000000000000000000000000, 6.400000000000000000000000, 6.800000000000000000000000, 7.200000000000000000000000, 7.600000000000000000000000)
ANCHOR_AI_POS = (0.002126478682638170836261009, 0.0009515638512048018736215000, 0.0004099735863869621560155367, 0.0001703255232864349484900582, 0.00006832855592524810090445348, 0.00002650061329684997098871090, 0.000009947694360252889570238848, 0.000003617762318851802992851161, 0.000001275879416876668148534209, 0.0000004367166359142262286574749, 0.0000001451946174801253705950911)
ANCHOR_AIP_POS = (-0.004171131744419381080421149, -0.001958640950204178900138141, -0.0008818920864917680724741148, -0.0003815707286887384405383759, -0.0001589434526459475164633877, -0.00006384458124617723468635903, -0.00002476520039703495475418183, -0.000009288603444862982904534798, -0.000003372464775376391852393221, -0.000001186541071717639651760394, -0.0000004049168204507779770414254)

ANCHOR_X_NEG = (-4.800000000000000000000000, -5.200000000000000000000000, -5.600000000000000000000000, -6.000000000000000000000000, -6.400000000000000000000000, -6.800000000000000000000000, -7.200000000000000000000000, -7.600000000000000000000000, -8.000000000000000000000000, -8.400000000000000000000000, -8.800000000000000000000000, -9.200000000000000000000000)
ANCHOR_AI_NEG = (0.3800366766427929384150135, 0.2525803381047447346964903, -0.06833069968616786391875182, -0.3291451736298231052314486, -0.2971376221366277964136955, 0.01210452427736503812849886, 0.3058515233686265715429112, 0.2782502348801973300585384, -0.05270505035638620262208268, -0.3195921897261979783796253, -0.2020544473767457622729732, 0.1652680046514796314409881)
ANCHOR_AIP_NEG = (-0.03676510431234607751584279, 0.6399051669012838433444152, 0.8500325600489315626119686, 0.3459354872813428949297794, -0.5014798502549686563445286, -0.9103040051588044059363644, -0.4141242811570351591787206, 0.5467188190573480694779099, 0.9355609381983065510255225, 0.2442208941452841245403742, -0.7706130097480422219991560, -0.8406710738038008182393533)
