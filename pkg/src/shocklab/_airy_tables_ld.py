"""Extended-precision anchor values for the Airy evaluation bands.

Anchor points x = -12.0(0.4)12.0 with Ai(x) and Ai'(x) to 30
significant digits, parsed at import into numpy longdouble arrays;
generated once by high-precision series evaluation and frozen.
"""

import numpy as np

__all__ = ["ANCHOR_X_LD", "ANCHOR_AI_LD", "ANCHOR_AIP_LD",
           "AIRY_C1_LD", "AIRY_C2_LD", "SQRTPI_LD"]

_ANCHORS = [
    ("-12.0", "-0.0665551750543731294741896623596", "1.02311045336797072989598432236"),
    ("-11.6", "0.279374548683323686794522572521", "0.428711397926832591167219184250"),
    ("-11.2", "0.183703674051253539810542864364", "-0.824959550042248434198156521894"),
    ("-10.8", "-0.197769992056371797881669928096", "-0.794307387186218064085965339991"),
    ("-10.4", "-0.286805455630829620997952043257", "0.406568840375071685660470722217"),
    ("-10.0", "0.0402412384864431906894303140299", "0.996265044132790055904572541289"),
    ("-9.6", "0.314651583311693258634663336865", "0.196950442321259113950746648465"),
    ("-9.2", "0.165268004651479631440988070715", "-0.840671073803800818239353332780"),
    ("-8.8", "-0.202054447376745762272973159658", "-0.770613009748042221999155989523"),
    ("-8.4", "-0.319592189726197978379625303273", "0.244220894145284124540374207332"),
    ("-8.0", "-0.0527050503563862026220826757939", "0.935560938198306551025522462133"),
    ("-7.6", "0.278250234880197330058538419303", "0.546718819057348069477909864071"),
    ("-7.2", "0.305851523368626571542911183549", "-0.414124281157035159178720576242"),
    ("-6.8", "0.0121045242773650381284988628217", "-0.910304005158804405936364382386"),
    ("-6.4", "-0.297137622136627796413695491806", "-0.501479850254968656344528605362"),
    ("-6.0", "-0.329145173629823105231448582529", "0.345935487281342894929779434834"),
    ("-5.6", "-0.0683306996861678639187518243628", "0.850032560048931562611968647942"),
    ("-5.2", "0.252580338104744734696490272519", "0.639905166901283843344415209375"),
    ("-4.8", "0.380036676642792938415013475355", "-0.0367651043123460775158427851473"),
    ("-4.4", "0.233703258073163129966259435630", "-0.640850183287563651884580704827"),
    ("-4.0", "-0.0702655329492895150990843116318", "-0.790628575368581380296454445828"),
    ("-3.6", "-0.334777477474821899787345042848", "-0.469863966303251126642662720456"),
    ("-3.2", "-0.417443420564151365175922382081", "0.0650311469952631513705537656844"),
    ("-2.8", "-0.295097592999208665414011095381", "0.512210981543479350024064848369"),
    ("-2.4", "-0.0433341404403095142041132577435", "0.698017601544441867074677543308"),
    ("-2.0", "0.227407428201685575991924436038", "0.618259020741691041406264291332"),
    ("-1.6", "0.429862976769135179184706106755", "0.378542191951880827034153130204"),
    ("-1.2", "0.526194374802120073862861039704", "0.107031569272280793690833522574"),
    ("-0.8", "0.523573949705774008354356696676", "-0.105809991187968867530041243212"),
    ("-0.4", "0.454225613888667398392155702644", "-0.225031409302415031574380400346"),
    ("0.0", "0.355028053887817239260063186004", "-0.258819403792806798405183560189"),
    ("0.4", "0.254742354295676346081368833776", "-0.235832034419208217276655437432"),
    ("0.8", "0.169846317444364859215957118058", "-0.186412863807271709024639484713"),
    ("1.2", "0.106125762263312542738223021265", "-0.132785378557226174199718744411"),
    ("1.6", "0.0625369079689319603258386961740", "-0.0869959084481041318083989233031"),
    ("2.0", "0.0349241304232743791353220807918", "-0.0530903844336536317039991858787"),
    ("2.4", "0.0185560936229754673394618692915", "-0.0304395201289725927081105714962"),
    ("2.8", "0.00941050691492396296488161436691", "-0.0164997809949151397235905196190"),
    ("3.2", "0.00456743927403982089679574244226", "-0.00849581721856859590746244998910"),
    ("3.6", "0.00212647868263817083626100924136", "-0.00417113174441938108042114858991"),
    ("4.0", "0.000951563851204801873621499968900", "-0.00195864095020417890013814091841"),
    ("4.4", "0.000409973586386962156015536714223", "-0.000881892086491768072474114800491"),
    ("4.8", "0.000170325523286434948490058226679", "-0.000381570728688738440538375860836"),
    ("5.2", "0.0000683285559252481009044534780344", "-0.000158943452645947516463387661696"),
    ("5.6", "0.0000265006132968499709887108983731", "-0.0000638445812461772346863590349984"),
    ("6.0", "0.00000994769436025288957023884766883", "-0.0000247652003970349547541818253870"),
    ("6.4", "0.00000361776231885180299285116124143", "-0.00000928860344486298290453479808735"),
    ("6.8", "0.00000127587941687666814853420873944", "-0.00000337246477537639185239322059561"),
    ("7.2", "0.000000436716635914226228657474912780", "-0.00000118654107171763965176039424846"),
    ("7.6", "0.000000145194617480125370595091135182", "-0.000000404916820450777977041425408786"),
    ("8.0", "0.0000000469220761609923162564908170349", "-0.000000134143929790678657429115370793"),
    ("8.4", "0.0000000147493549947192186846270979837", "-0.0000000431760275048587314851128933567"),
    ("8.8", "0.00000000451244051915370355492223143651", "-0.0000000135113493599557286374867942146"),
    ("9.2", "0.00000000134446218337071327596945935943", "-0.00000000411371244280792006026264326087"),
    ("9.6", "3.90323353041513515291811590023e-10", "-0.00000000121933377816811228864155191893"),
    ("10.0", "1.10475325528986859335502056580e-10", "-3.52063367673892363662064482528e-10"),
    ("10.4", "3.04988818659400130118122488168e-11", "-9.90759951950108037017576949789e-11"),
    ("10.8", "8.21640341535987878998227246378e-12", "-2.71888353493916459863366002073e-11"),
    ("11.2", "2.16097346420640172419098670475e-12", "-7.27946252450190530540326315587e-12"),
    ("11.6", "5.55095615024136498103955307270e-13", "-1.90236835053486654460647740425e-12"),
    ("12.0", "1.39318468887536083904903450320e-13", "-4.85473655498530846299365399770e-13"),
]

AIRY_C1_LD = np.longdouble("0.355028053887817239260063186004")
AIRY_C2_LD = np.longdouble("0.258819403792806798405183560189")
SQRTPI_LD = np.longdouble("1.77245385090551602729816748334")

ANCHOR_X_LD = np.array([np.longdouble(t[0]) for t in _ANCHORS])
ANCHOR_AI_LD = np.array([np.longdouble(t[1]) for t in _ANCHORS])
ANCHOR_AIP_LD = np.array([np.longdouble(t[2]) for t in _ANCHORS])
