int g(void)
{
}
