"""Published curves with their printed L-polynomial coefficients and claims.

Each claim is (group label, cofactor, bits of the prime factor).  "j2_div3"
records the printed divisibility of #J over F_{p^2} by 3 where stated.
"""

M61 = (1 << 61) - 1
P84 = (1 << 84) - 35
M89 = (1 << 89) - 1
P93 = (1 << 93) - 25
P50 = (1 << 50) - 27
P3E16 = 3 * 10 ** 16 + 29

GENUS2 = [
    dict(name="456579", p=M61, f=[456579, 1, 0, 0, 0, 1],
         a=[867588246, 503655589160075568],
         # both printed as 244-bit; the twist's prime is 2^244 (1 + 3.8e-10), so 245 bits
         claims=[("J_3/1", 1, 244), ("J_3/1_twist", 1, 245)], j2_div3=False),
    dict(name="127861", p=P84, f=[127861, 1, 0, 0, 0, 1],
         a=[-2092369310828, 35830907425009491385101310],
         claims=[("J", 288, 160)],
         order=2**5 * 3**2 * 1299112566516217620665269205633002367450315129777),
    dict(name="89993", p=P84, f=[89993, 1, 0, 0, 0, 1],
         a=[1236014582768, -20956811918028115290034218],
         claims=[("J_3/1", 1, 336), ("T_3", 1, 336)], j2_div3=False),
    dict(name="202214", p=M89, f=[202214, 1, 0, 0, 0, 1],
         a=[-52033004229306, 1618004552234213280766854490],
         claims=[("J", 180, 171)],
         order=2**2 * 3**2 * 5 * 2128466028980222265110760419187916380742710181533203),
    dict(name="207686", p=M89, f=[207686, 1, 0, 0, 0, 1],
         a=[37333142265075, 1342175488412716989278850463],
         claims=[("J_4/2", 13**2, 349)]),
    dict(name="15466464", p=M89, f=[15466464, 81, 0, 0, 0, 1],
         a=[-29105979141185, 216189507687913446441772723],
         claims=[("J_3/1", 7, 354)], j2_div3=False),
    dict(name="1050", p=P93, f=[1050, 5, 3, 2, 0, 1],
         a=[20868893099084, 14008940235908131442826126566],
         claims=[("J_3/1", 7 * 313, 361)], j2_div3=True),
]

GENUS3 = [
    dict(name="851385", p=P50, f=[851385, 5, 1, 4, 1, 3, 0, 1],
         a=[13792821, 98748931364073, -4912096020329124903571],
         order=1427247710190335132030763894493884791800228867,
         claims=[("J", 1, 151)]),
    dict(name="69621", p=P3E16, f=[69621, 27, 18, 28, 0, 0, 0, 1],
         a=[-200710015, 49691549823351179, -9387711520293250802133155],
         order=5**2 * 373 * 2895442339877862336809237112865944284512053683),
    dict(name="84538", p=M61, f=[84538, 5, 1, 4, 1, 3, 0, 1],
         a=[-255251897, 3731171990845206887, -1915761422452218541377951998],
         order=2**4 * 3**5 * 17 * 223 * 831781325652289358544190241299568732364985371373),
]

# worked examples from the search runs
T816 = dict(p=M61, f=[816, 1, 7, 2, 0, 1], a=[618350030, 415833882783789026])
T648 = dict(p=P50, f=[648, 5, 1, 4, 1, 3, 0, 1],
            a=[39141148, 1354965780525799, 18939879984661962930696],
            twist_order=(2**3 * 5**2 * 233 * 937 * 8053 * 18719 * 44171 * 1180799
                         * 13517389 * 307558308259),
            order=2**3 * 3 * 1083611 * 54880077749424473770842486727458448993)
