"""Coordinates printed in the F_4 branch figure: (t, lower branch, upper branch)."""

FIGURE_POINTS = (
    ("-5.10000000", "1.03733935", "3.69599398"),
    ("-4.90000000", "1.01314336", "3.58685664"),
    ("-4.79128785", "1.00000000", "3.52752523"),
    ("-4.60000000", "0.97688921", "3.42311079"),
    ("-4.30000000", "0.94068986", "3.25931014"),
    ("-4.00000000", "0.90455488", "3.09544512"),
    ("-3.70000000", "0.86849624", "2.93150376"),
    ("-3.40000000", "0.83252907", "2.76747093"),
    ("-3.10000000", "0.79667282", "2.60332718"),
    ("-2.80000000", "0.76095292", "2.43904708"),
    ("-2.50000000", "0.72540333", "2.27459667"),
    ("-2.20000000", "0.69007043", "2.10992957"),
    ("-1.90000000", "0.65501938", "1.94498062"),
    ("-1.60000000", "0.62034493", "1.77965507"),
    ("-1.30000000", "0.58619070", "1.61380930"),
    ("-1.00000000", "0.55278640", "1.44721360"),
    ("-0.75000000", "0.52579869", "1.30753465"),
    ("-0.55000000", "0.50503623", "1.19496377"),
    ("-0.40000000", "0.49016133", "1.10983867"),
    ("-0.30000000", "0.48069853", "1.05263481"),
    ("-0.25000000", "0.47613872", "1.02386128"),
    ("-0.22000000", "0.47346670", "1.00653330"),
    ("-0.20871215", "0.47247477", "1.00000000"),
    ("-0.20000000", "0.47171444", "0.99495222"),
    ("-0.15000000", "0.46744566", "0.96588768"),
    ("-0.10000000", "0.46335681", "0.93664319"),
    ("-0.05000000", "0.45947822", "0.90718845"),
    ("-0.02000000", "0.45726750", "0.88939917"),
    ("-0.01000000", "0.45655211", "0.88344789"),
)

FIGURE_CROSSINGS = ("-4.79128785", "-0.20871215")
