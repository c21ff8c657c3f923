"""Formula corpus shared by the parser tests and the acceptance suite.

CORPUS entries are well-formed formulas that must survive
parse -> print -> parse with structural equality. UNSUPPORTED maps
recognizable-but-unhandled constructs to their reported kind;
SYNTAX_ERRORS are plain rejects.
"""

CORPUS = [
    # literals
    "=1",
    "=0",
    "=42",
    "=1.19",
    "=0.5",
    "=.5",
    "=100.",
    "=1e3",
    "=1E-3",
    "=2.5e+10",
    "=123456789012345678901234567890",
    "=0.000000001",
    '=""',
    '="x"',
    '="hello world"',
    '="with ""quotes"" inside"',
    '="tab\tand ; semicolon"',
    "=TRUE",
    "=FALSE",
    "=true",
    "=FaLsE",
    # plain references
    "=A1",
    "=B2",
    "=Z9",
    "=AA10",
    "=XFD1048576",
    "=$A$1",
    "=A$1",
    "=$A1",
    "=a1",
    "=$aa$99",
    # ranges
    "=A1:B2",
    "=B2:A1",
    "=$A$1:$B$2",
    "=A1:A100",
    "=C3:C3",
    # sheet-qualified
    "=Sheet1!A1",
    "=Data!$B$2",
    "='My Sheet'!C3",
    "='it''s here'!A1",
    "=Sheet1!A1:B2",
    "='Q1 Data'!A1:'Q1 Data'!B9",
    "='2024'!A1",
    # unary and percent
    "=-1",
    "=+1",
    "=-A1",
    "=--5",
    "=-+-5",
    "=50%",
    "=A1%",
    "=-A1%",
    "=10%%",
    # arithmetic
    "=1+2",
    "=1-2",
    "=2*3",
    "=8/4",
    "=2^10",
    "=2^3^2",
    "=1+2*3",
    "=(1+2)*3",
    "=1+2-3+4",
    "=10/2/5",
    "=2*A1+3*B1",
    "=A1*A2",
    "=(A1)",
    "=((A1))",
    "=-(1+2)",
    "=1--2",
    "=1- -2",
    "=3*-2",
    "=2^-1",
    # concatenation and comparison
    '="a"&"b"',
    '=A1&" total"',
    "=A1&B1&C1",
    "=A1=B1",
    "=A1<>B1",
    "=A1<B1",
    "=A1<=B1",
    "=A1>B1",
    "=A1>=B1",
    "=1+2=3",
    '="a"&"b"="ab"',
    "=A1+B1>C1*2",
    # functions
    "=SUM(A1:A9)",
    "=sum(a1:a9)",
    "=MAX(1, 2, 3)",
    "=MIN(A1,B1)",
    "=COUNT(A1:A99)",
    "=TODAY()",
    "=PI()",
    "=ROUND(1.005, 2)",
    "=IF(A1>0, 1, -1)",
    "=IF(A1=B1, \"same\", \"differs\")",
    "=SUM(A1, B2:B9, 3)",
    "=SUM(SUM(A1:A2), SUM(B1:B2))",
    "=IF(AND(A1>0, B1>0), MAX(A1, B1), 0)",
    "=VLOOKUP(A1, Data!A1:C99, 2, FALSE)",
    "=IFERROR(A1/B1, 0)",
    "=CONCATENATE(A1, \" \", B1)",
    "=N(A1)",
    "=T(A1)",
    "=LOG10(100)",
    "=ATAN2(1, 1)",
    # mixed precedence coverage
    "=1+2^3*4",
    "=-2^2",
    "=(-2)^2",
    "=2^(1/2)",
    "=A1%*100",
    '=1&2',
    '=A1>B1=TRUE',
    "=SUM(A1:A9)*1.19",
    "=SUM(A1:A9)%",
    "=(A1+B1)%",
    "=IF(A1<>\"\", A1, \"n/a\")",
    # §-style business formulas
    "=B2*1.19",
    "=B2*(1+C1)",
    "=(B2-B1)/B1",
    "=SUM(B2:B13)/12",
    "=ROUND(B2*$C$1, 2)",
    "=Rates!$B$1*C3",
    "='My Data'!A1+'My Data'!A2",
    "=IF(B2>=1000, B2*0.95, B2)",
    "=Total!A1-SUM(A2:A99)",
    "=MAX(0, MIN(B1, C1))",
    # whitespace tolerance
    "= 1 + 2",
    "=SUM( A1 , B1 )",
    "=  A1",
    "=A1 : B2",
    "=IF( A1 > 0 , 1 , 0 )",
    "= - 5",
    # deep-ish nesting
    "=((((((((((1))))))))))",
    "=SUM(SUM(SUM(SUM(SUM(A1)))))",
    "=1+(2+(3+(4+(5+(6)))))",
    # big/awkward literals
    "=9.99999999999999999999",
    "=0.1+0.2",
    "=1000000*1000000",
    "=1.0",
    "=01",
    "=007+A1",
    # strings with escapes and operators inside
    '="="&A1',
    '="a=b"',
    '="<>"&"<="',
    '=""""',
    '="it""s"',
    '=LEN("  ")',
    # function names that look like references but take args
    "=LOG(A1)",
    # single-letter and multi-letter names
    "=XYZ(1)",
    "=F(2)",
    "=FN(A1, B2)",
    # comparisons chained with arithmetic
    "=A1+1<B1-1",
    "=A1*2>=B1/2",
    "=NOT(A1>B1)",
    # percent after parens and calls
    "=(50)%",
    "=SUM(A1)%",
    # unary stacking
    "=--A1",
    "=+-+1",
    "=-SUM(A1:A2)",
    # ranges with absolute mixes
    "=$A1:B$2",
    "=A$1:$B2",
    "=SUM($A$1:$A$9)",
    # numbers adjoining percent and power
    "=2%^2",
    "=2^2%",
    # sheet names needing quotes
    "='Sheet 1'!A1",
    "='x-y'!B2",
    "='A1'!B2",
    "='TRUE'!A1",
    # longer realistic formulas
    "=IF(ISBLANK(A2), \"\", A2*B2)",
    "=SUMPRODUCT(A1:A9, B1:B9)",
    "=ROUND(SUM(C2:C13)*(1+$D$1), 0)",
    "=IF(A1>0, IF(B1>0, 1, 2), IF(C1>0, 3, 4))",
    "=(A1+A2+A3+A4+A5)/5",
    "=B1*12+C1*4+D1",
    "=SUM(A1:A3)+SUM(B1:B3)-SUM(C1:C3)",
    "=IF(MOD(A1, 2)=0, \"even\", \"odd\")",
    "=A1^2+B1^2=C1^2",
    "=(1+0.05)^12-1",
    "=100*(1-1/1.19)",
    "=SUM(Data!B2:B99)*Rates!$A$1",
    "=AVERAGE(A1:A9)>=AVERAGE(B1:B9)",
    "=COUNTIF(A1:A99, \">0\")",
    "=LEFT(A1, 3)&RIGHT(B1, 2)",
    "=TEXT(A1, \"0.00\")",
    "=MID(A1, 2, 3)",
    "=SUBSTITUTE(A1, \",\", \".\")",
    "=TRIM(A1)&\"!\"",
    "=UPPER(A1)=LOWER(B1)",
    "=CHOOSE(A1, B1, C1, D1)",
    "=INDEX(A1:C9, 2, 3)",
    "=MATCH(A1, B1:B99, 0)",
    "=OFFSET(A1, 1, 2)",
    "=ROW(A5)",
    "=COLUMN(C1)",
    "=INDIRECT(\"A\"&B1)",
    "=HLOOKUP(A1, B1:Z2, 2, TRUE)",
    "=POWER(A1, 3)",
    "=SQRT(A1^2+B1^2)",
    "=EXP(1)",
    "=LN(A1)",
    "=ABS(A1-B1)",
    "=SIGN(A1)*FLOOR(ABS(A1), 1)",
    "=CEILING(A1, 0.25)",
    "=INT(A1)+MOD(A1, 1)",
    "=RAND()*100",
    "=RANDBETWEEN(1, 6)",
    "=DATE(2024, 1, 31)",
    "=YEAR(A1)=2024",
    "=MONTH(A1)&\"/\"&DAY(A1)",
    "=EOMONTH(A1, 0)",
    "=NETWORKDAYS(A1, B1)",
    "=PMT(0.05/12, 360, -100000)",
    "=FV(0.03, 10, -100)",
    "=NPV(0.1, B1:B9)",
    "=IRR(A1:A9)",
    "=ISNUMBER(A1)*1",
    "=ISTEXT(A1)+ISBLANK(A1)",
    "=OR(A1, B1, C1)",
    "=AND(NOT(A1), B1)",
    "=XOR(A1>0, B1>0)",
    "=IFS(A1>0, 1, A1<0, -1, TRUE, 0)",
    "=SWITCH(A1, 1, \"one\", 2, \"two\", \"many\")",
]

# construct -> expected UnsupportedConstruct kind
UNSUPPORTED = {
    "={1;2}": "array-literal",
    "={1,2;3,4}": "array-literal",
    "=#REF!": "error-literal",
    "=#DIV/0!": "error-literal",
    "=A1+#VALUE!": "error-literal",
    "=Table1[Col]": "structured-reference",
    "=[Book1]Sheet1!A1": "external-workbook-reference",
    "=[1]Sheet1!A1": "external-workbook-reference",
    "=Tax_Rate": "defined-name",
    "=Tax_Rate*2": "defined-name",
    "=SUM(revenues)": "defined-name",
    "=SUM)A1(": "defined-name",  # SUM without "(" is just an identifier
    "=Sheet1:Sheet3!A1": "3d-reference",
    "=SUM(Sheet1:Sheet3!B2)": "3d-reference",
    "=SUM(A:A)": "whole-column-range",
    "=A:C": "whole-column-range",
    "=SUM(1:3)": "whole-row-range",
    "=2:2": "whole-row-range",
}

SYNTAX_ERRORS = [
    "",
    "A1",            # no leading "="
    "=",
    "=1+",
    "=(1",
    "=1)",
    "=SUM(",
    "=SUM(A1",
    "=SUM(A1,)",
    "=,",
    "=A1:",
    "=A1 B1",
    '="unterminated',
    "='Sheet!A1",
    "=A1:B2:C3",
    "=1..2",
    "=%5",
    "=*3",
    "=A1><B1",
    "=$",
    "=$A:$A",
    "=!A1",
    "=A1!!B1",
]
