#ifndef RESLIM_TESTS_HUMANEVAL83_LISTING_HPP
#define RESLIM_TESTS_HUMANEVAL83_LISTING_HPP

// Candidate solution for HumanEval/83 generated under a camelCase
// instruction; str_num on line 13 breaks the requested convention.
inline const char* const kCountNumbersListing =
    "def countNumbersWithOne(n):\n"
    "    if n == 1:\n"
    "        # For single-digit numbers, we only have 1\n"
    "        return 1\n"
    "\n"
    "    count = 0\n"
    "\n"
    "    # Calculate the range for n-digit numbers\n"
    "    start = 10**(n-1)\n"
    "    end = 10**n\n"
    "    \n"
    "    for num in range(start, end):\n"
    "        str_num = str(num)\n"
    "        if str_num[0] == '1' or str_num[-1] == '1':\n"
    "            count += 1\n"
    "\n"
    "    return count\n";

#endif
