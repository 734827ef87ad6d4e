#pragma once

#include <string>
#include <vector>

namespace frackit::testing {

// Expressions in t (plus one in y) covering every node kind and function.
inline const std::vector<std::string> kExprCorpus{
    "t",
    "4*y",
    "exp(t)+1",
    "t^2 + ln(t)",
    "sqrt(t) * sin(t)",
    "cos(2*t) - t/3",
    "exp(-t^2)",
    "(t + 1)^(t + 1)",
    "t^t",
    "1/(1 + t^2)",
    "ln(1 + t) * exp(t)",
    "sin(cos(t))",
    "-t + 2*t^3 - 4",
    "t/(t + 2)/(t + 3)",
    "2^t",
    "sqrt(1 + t^2)",
    "exp(sin(t)) + cos(t)^2",
    "-(t - 1)^2 + 5",
    "t*t*t - t*t",
    "ln(t^2 + 1) / (t + 1)",
    "(1 + t)^-0.5",
    "3.25e-1*t^1.5",
    "--t",
    "-2^t",
    "exp(t/2) - exp(-t/2)",
    "sin(t)/t",
    "cos(t)^3 - sin(t)^3",
    "t^(1/3)",
    "1 - 1/(t + 1)^2",
    "(t + 2) * (t - 2) / (t^2 + 4)",
};


}  // namespace frackit::testing
