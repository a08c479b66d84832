#include <iostream>
int main() { std::cout << "hyperlat\n"; return 0; }
