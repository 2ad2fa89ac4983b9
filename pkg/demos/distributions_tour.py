"""Tour of the distribution functions behind the tests."""

import math

from pacestat.distributions import (
    f_survival,
    student_t_cdf,
    studentized_range_cdf,
    studentized_range_quantile,
)

# Student t: the familiar two-sided 5% point for 10 df.
print("P(T10 <= 2.228) =", round(student_t_cdf(2.22814, 10), 6))

# F tail used by ANOVA, Levene and Welch.
print("P(F(2, 282) > 9.444) =", f_survival(9.444, 2, 282))

# With two groups the studentized range is sqrt(2) times |t|.
q, nu = 3.0, 30
print("range CDF k=2:", studentized_range_cdf(q, 2, nu))
print("2 t-CDF - 1 :", 2 * student_t_cdf(q / math.sqrt(2), nu) - 1)

# Critical values for Tukey-Kramer at three groups.
for df in (10, 30, 282, math.inf):
    print(f"q_0.95(k=3, df={df}) = {studentized_range_quantile(0.95, 3, df):.4f}")
