#include <qconv/rational.hpp>
int main() { return 0; }
