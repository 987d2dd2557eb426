"""Taylor coefficients of the uniform-expansion functions c_k(eta) about eta = 0.

Row k holds the coefficients of c_k in increasing powers of eta. They were
generated in exact rational arithmetic from the recursion
c_k = eta^-1 c_{k-1}'(eta) + (-1)^k g_k / (lambda - 1), with g_k the Stirling
coefficients of the scaled gamma function, and rounded to double precision.
"""

TEMME_D = (
    (
        -0.3333333333333333, 0.08333333333333333, -0.014814814814814815,
        0.0011574074074074073, 0.0003527336860670194, -0.0001787551440329218,
        3.919263178522438e-05, -2.185448510679992e-06, -1.85406221071516e-06,
        8.296711340953087e-07, -1.7665952736826078e-07, 6.707853543401498e-09,
        1.0261809784240309e-08, -4.382036018453353e-09, 9.14769958223679e-10,
        -2.5514193994946248e-11, -5.830772132550426e-11, 2.4361948020667415e-11,
        -5.0276692801141755e-12, 1.1004392031956135e-13, 3.371763262400985e-13,
        -1.392388722418162e-13, 2.8534893807047445e-14, -5.139111834242572e-16,
        -1.9752288294349442e-15, 8.099521156704561e-16, -1.6522531216398162e-16,
        2.5305430097478883e-18, 1.1686939738559576e-17, -4.770037049820485e-18,
        9.699126059056237e-19, -1.2932565538038175e-20, -6.969230253185693e-20,
        2.835145432176937e-20, -5.7509821590070474e-21, 6.792953783488915e-23,
        4.182125426111336e-22, -1.6971539620047604e-22, 3.43621593839432e-23,
        -3.643995779628021e-25, -2.522535663578434e-24, 1.0217275578876767e-24,
    ),
    (
        -0.001851851851851852, -0.003472222222222222, 0.0026455026455026454,
        -0.0009902263374485596, 0.00020576131687242798, -4.018775720164609e-07,
        -1.8098550334489977e-05, 7.64916091608111e-06, -1.6120900894563446e-06,
        4.647127802807434e-09, 1.378633446915721e-07, -5.752545603517705e-08,
        1.1951628599778148e-08, -1.7543241719747647e-11, -1.0091543710600413e-09,
        4.162792991842583e-10, -8.56390702649298e-11, 6.067215101604758e-14,
        7.1624989648114856e-12, -2.933186643771437e-12, 5.996696365683689e-13,
        -2.1671786527323313e-16, -4.978339972369262e-14, 2.0291628823713425e-14,
        -4.13125571381061e-15, 8.286516239883097e-19, 3.4100308869333327e-16,
        -1.3854195302893971e-16, 2.812346653228875e-17, -3.406444194143029e-21,
        -2.3109797315115572e-18, 9.366757064132256e-19, -1.8972570152858488e-19,
        1.4912630740339597e-23, 1.5534900047251396e-20, -6.285130454237188e-21,
        1.2709110113722471e-21, -6.863385717627884e-26, -1.0376493982513261e-22,
        4.192119650489165e-23, -8.465388193517762e-24, 3.283499753361086e-28,
    ),
    (
        0.004133597883597883, -0.0026813271604938273, 0.0007716049382716049,
        2.0093878600823047e-06, -0.0001073665322636516, 5.2923448829120125e-05,
        -1.2760635188618728e-05, 3.423578734096138e-08, 1.3721957309062934e-06,
        -6.298992138380055e-07, 1.4280614206064242e-07, -2.0477098421990866e-10,
        -1.409252991086752e-08, 6.228974084922022e-09, -1.3670488396617114e-09,
        9.428356159014678e-13, 1.2872252400089318e-10, -5.5645956134363323e-11,
        1.197593554636698e-11, -4.1689782251838634e-15, -1.0940640427884595e-12,
        4.662239946390136e-13, -9.905105763906907e-14, 1.8931876768373515e-17,
        8.859221872591127e-15, -3.737820398046405e-15, 7.868833639035156e-16,
        -9.000027395741211e-20, -6.928881229347671e-17, 2.9020384270164786e-17,
        -6.067854696810877e-18, 4.472120729796853e-22, 5.279446144449786e-19,
        -2.198811233485732e-19, 4.5732827721348786e-20, -2.3035862647067298e-24,
        -3.941615586470973e-21, 1.6343373741206338e-21, -3.38496214687294e-22,
        1.2197072676409612e-26, 2.895185681637642e-23, -1.1961217839812553e-23,
    ),
    (
        0.0006494341563786008, 0.00022947209362139917, -0.0004691894943952557,
        0.00026772063206283885, -7.561801671883977e-05, -2.396505113867297e-07,
        1.1082654115347302e-05, -5.6749528269915965e-06, 1.4230900732435883e-06,
        -2.7861080291528143e-11, -1.6958404091930278e-07, 8.099464905388083e-08,
        -1.9111168485973655e-08, 2.3928620439808118e-12, 2.0620131815488797e-09,
        -9.460496661855133e-10, 2.1541049775774907e-10, -1.388823336813903e-14,
        -2.1894761681963938e-11, 9.790998951171684e-12, -2.178219188018096e-12,
        6.208819573407901e-17, 2.126978363279737e-13, -9.344688791517433e-14,
        2.045367122678285e-14, -2.58260790403495e-19, -1.9405297673344544e-15,
        8.415979290484816e-16, -1.8200430439538226e-16, 1.0735443641247309e-21,
        1.6896828315252834e-17, -7.256111746942148e-18, 1.5547292746622028e-18,
        -4.605994752275239e-24, -1.4191358137761748e-19, 6.047066498377825e-20,
        -1.2861734793467812e-20, 2.0623332993667594e-26, 1.158166408846306e-21,
        -4.904109085068004e-22, 1.0368500228833457e-22, -9.6283030858207e-29,
    ),
    (
        -0.0008618882909167117, 0.0007840392217200666, -0.0002990724803031902,
        -1.4638452578843418e-06, 6.641498215465122e-05, -3.968365047179435e-05,
        1.1375726970678419e-05, 2.507497226237533e-10, -1.6954149536558305e-06,
        8.907507532205309e-07, -2.292934834000805e-07, 2.956794137544049e-11,
        2.8865829742708783e-08, -1.4189739437803219e-08, 3.4463580499464896e-09,
        -2.3024517174528067e-13, -3.9409233028046403e-10, 1.86023389685045e-10,
        -4.356323005056618e-11, 1.278600101629623e-15, 4.67927502665792e-12,
        -2.149246470613483e-12, 4.908815614809652e-13, -6.33859148489156e-18,
        -5.045332069080094e-14, 2.2722958222901286e-14, -5.096082608472402e-15,
        3.0552097557171355e-20, 5.069021676310552e-16, -2.249383695648181e-16,
        4.9751114221314184e-17, -1.4903016393517331e-22, -4.8250457744004236e-18,
        2.1164667685646584e-18, -4.630211328749248e-19, 7.474753874999949e-25,
        4.40102275680519e-20, -1.9125986486817926e-20, 4.147392206376728e-21,
        -3.863984731116609e-27, -3.877941130883722e-22, 1.6724560022121336e-22,
    ),
    (
        -0.00033679855336635813, -6.972813758365857e-05, 0.0002772753244959392,
        -0.00019932570516188847, 6.797780477937208e-05, 1.419062920643967e-07,
        -1.3594048189768693e-05, 8.018470256334202e-06, -2.291481176508095e-06,
        -3.252473551298454e-10, 3.4652846491085265e-07, -1.8447187191171344e-07,
        4.8240967037894184e-08, -1.7989466721743514e-14, -6.306194500013523e-09,
        3.162417628774568e-09, -7.840924253697429e-10, 5.192679165254041e-15,
        9.358944242306784e-11, -4.513426216163278e-11, 1.0799129993116828e-11,
        -3.661886712685252e-17, -1.210902069055155e-12, 5.680743584990564e-13,
        -1.3249659916340829e-13, 1.8987240764284076e-19, 1.4193390236794701e-14,
        -6.523214701424697e-15, 1.4925242636202885e-15, -8.800389458732369e-22,
        -1.544022252303382e-16, 6.984341350227234e-17, -1.5742663876248805e-17,
        3.932986381427749e-24, 1.5843727014454443e-18, -7.076615532716853e-19,
        1.5760057594727924e-19, -1.7631877362613744e-26, -1.5511791464815588e-20,
        6.85706989477331e-21, -1.5121272010766692e-21, 8.091958743372859e-29,
    ),
    (
        0.0005313079364639922, -0.0005921664373536939, 0.0002708782096718045,
        7.902353232660328e-07, -8.153969367561969e-05, 5.61168275310625e-05,
        -1.8329116582843375e-05, -3.0796134506033047e-09, 3.465155368803609e-06,
        -2.0291327396058603e-06, 5.788792863149004e-07, 2.338630673826657e-13,
        -8.828600746330484e-08, 4.7435958880408125e-08, -1.2545415020710383e-08,
        8.649648858010293e-14, 1.6846058979264062e-09, -8.575492823577594e-10,
        2.1598224929232125e-10, -7.613230520476153e-16, -2.6639822008536144e-11,
        1.3065700536611057e-11, -3.1799163902367977e-12, 4.710976121367431e-18,
        3.6902800842763465e-13, -1.7612674046201426e-13, 4.179066786051478e-14,
        -2.5344679379178804e-20, -4.632065942001605e-15, 2.165145485964643e-15,
        -5.037651764097622e-16, 1.288867868779697e-22, 5.386866698963065e-17,
        -2.476815238761488e-17, 5.673620333096777e-18, -6.476428622565631e-25,
        -5.894480465018107e-19, 2.6742571406222053e-19, -6.048508564705739e-20,
        3.2922941808752546e-27, 6.136892442842273e-21, -2.7536473149896034e-21,
    ),
)
