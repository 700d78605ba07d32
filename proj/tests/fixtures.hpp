#pragma once

#include <vector>

namespace fixtures {

// Feinberg-Horn network, unit rates, species A..J without I. One step per column of the
// reference gamma matrix, in the same order.
inline const char* kFeinbergHornNetwork = R"(A + B ->[1] C
C ->[1] A + B
C ->[1] D + E
D + E ->[1] F
F ->[1] D + E
A + B ->[1] G
G ->[1] H
H ->[1] 2J
2J ->[1] H
2J ->[1] G
)";

inline const char* kFeinbergHornOde = R"(a' = -2*a*b + c
b' = -2*a*b + c
c' = a*b - 2*c
d' = c - d*e + f
e' = c - d*e + f
f' = d*e - f
g' = a*b - g + j^2
h' = g - h + j^2
j' = 2*h - 4*j^2
)";

inline std::vector<std::vector<long>> feinberg_horn_gamma() {
  return {
      {-1, 1, 0, 0, 0, -1, 0, 0, 0, 0},   //
      {-1, 1, 0, 0, 0, -1, 0, 0, 0, 0},   //
      {1, -1, -1, 0, 0, 0, 0, 0, 0, 0},   //
      {0, 0, 1, -1, 1, 0, 0, 0, 0, 0},    //
      {0, 0, 1, -1, 1, 0, 0, 0, 0, 0},    //
      {0, 0, 0, 1, -1, 0, 0, 0, 0, 0},    //
      {0, 0, 0, 0, 0, 1, -1, 0, 0, 1},    //
      {0, 0, 0, 0, 0, 0, 1, -1, 1, 0},    //
      {0, 0, 0, 0, 0, 0, 0, 2, -2, -2},   //
  };
}

inline std::vector<long> feinberg_horn_rho() { return {1, 2, 4, 1, 4, 5, 2, 2, 1}; }

// X <-[a] X + Y ->[b] Y, 2X ->[b] 2X + Y, 2Y ->[a] X + 2Y
inline const char* kDiagonalExampleNetwork = R"(X <-[a] X + Y ->[b] Y
2X ->[b] 2X + Y
2Y ->[a] X + 2Y
)";

}  // namespace fixtures
