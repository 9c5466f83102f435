#include <iostream>

int main() {
    std::cout << "momentlab: experiment runner not wired up yet\n";
    return 0;
}
